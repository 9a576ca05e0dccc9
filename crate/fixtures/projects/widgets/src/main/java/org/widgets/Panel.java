package org.widgets;

import java.util.ArrayList;
import java.util.List;

public class Panel {
    private final List<AbstractWComponent> children = new ArrayList<AbstractWComponent>();
    private String title;
    private long area;

    public Panel add(AbstractWComponent component, String label) {
        component.setId(label);
        children.add(component);
        return this;
    }

    public int count() {
        return children.size();
    }

    public void resize(int width, long height) {
        area = width * height;
    }

    public long area() {
        return area;
    }

    public void setTitle(String title) {
        this.title = title;
    }

    public String getTitle() {
        return title;
    }
}
