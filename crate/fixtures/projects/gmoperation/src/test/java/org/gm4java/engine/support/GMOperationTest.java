package org.gm4java.engine.support;

import static org.junit.Assert.assertEquals;

import java.io.File;

import org.junit.Before;
import org.junit.Ignore;
import org.junit.Rule;
import org.junit.Test;
import org.junit.rules.ExpectedException;

public class GMOperationTest {
    @Rule
    public ExpectedException exception = ExpectedException.none();

    GMOperation sut;

    @Before
    public void setup() {
        sut = new GMOperation();
    }

    @Test
    public void addImage_ThrowsException_WhenFileIsNull()
            throws Exception {
        exception.expect(IllegalArgumentException.class);
        sut.addImage((File) null);
    }

    @Test
    public void addImage_AppendsPath() {
        File file = new File("a.png");
        sut.addImage(file);
        assertEquals(1, sut.size());
    }

    @Test
    public void test0() {
        sut.addImage(new File("x"));
    }

    @Test
    public void addImage_WithIndex(int index) {
        sut.addImage(new File("y"));
    }

    @Ignore
    @Test
    public void addImage_Ignored() {
        sut.addImage(new File("z"));
    }

    @Test
    public void addImage_Twice() {
        sut.addImage(new File("p")); sut.addImage(new File("q"));
    }

    @Test
    public void addImage_Conditionally() {
        File file = new File("c");
        if (file != null) {
            sut.addImage(file);
        }
    }

    @Test
    public void noCalls() {
        int unused = 1;
    }
}
